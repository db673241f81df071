//! Sparse multivariate polynomials in canonical (sorted, combined) form.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{Exp, Monomial};
use crate::ring::{same_ring, RingRef};

pub type Term<F> = (<F as Field>::Elem, Monomial);

/// A polynomial: terms strictly descending under the ring's order, no zero
/// coefficients. The zero polynomial has no terms.
#[derive(Clone)]
pub struct Poly<F: Field> {
    ring: RingRef<F>,
    terms: Vec<Term<F>>,
}

/// Arithmetic selector for [`poly_arith`].
#[derive(Clone, Debug)]
pub enum ArithOp<F: Field> {
    Add,
    Sub,
    Mul,
    /// Multiply the first operand by a scalar; the second operand is ignored.
    ScalarMul(F::Elem),
}

/// Ring-checked arithmetic on two polynomials.
pub fn poly_arith<F: Field>(f: &Poly<F>, g: &Poly<F>, op: ArithOp<F>) -> Result<Poly<F>> {
    if !same_ring(&f.ring, &g.ring) {
        return Err(Error::RingMismatch);
    }
    Ok(match op {
        ArithOp::Add => f.add(g),
        ArithOp::Sub => f.sub(g),
        ArithOp::Mul => f.mul(g),
        ArithOp::ScalarMul(c) => f.scale(&c),
    })
}

impl<F: Field> Poly<F> {
    pub fn zero(ring: &RingRef<F>) -> Self {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &RingRef<F>, c: F::Elem) -> Self {
        let n = ring.nvars();
        if ring.field().is_zero(&c) {
            return Poly::zero(ring);
        }
        Poly {
            ring: ring.clone(),
            terms: vec![(c, Monomial::one(n))],
        }
    }

    pub fn one(ring: &RingRef<F>) -> Self {
        Poly::constant(ring, ring.field().one())
    }

    pub fn var(ring: &RingRef<F>, i: usize) -> Self {
        Poly {
            ring: ring.clone(),
            terms: vec![(ring.field().one(), Monomial::var(ring.nvars(), i))],
        }
    }

    pub fn monomial(ring: &RingRef<F>, c: F::Elem, m: Monomial) -> Self {
        if ring.field().is_zero(&c) {
            return Poly::zero(ring);
        }
        Poly {
            ring: ring.clone(),
            terms: vec![(c, m)],
        }
    }

    /// Builds a polynomial from arbitrary terms, sorting and combining them.
    pub fn from_terms(ring: &RingRef<F>, terms: Vec<Term<F>>) -> Self {
        let terms = canonicalize(ring, terms);
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Terms must already be strictly descending with nonzero coefficients.
    pub(crate) fn from_sorted(ring: &RingRef<F>, terms: Vec<Term<F>>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].1, &w[1].1) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(c, _)| !ring.field().is_zero(c)));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn terms(&self) -> &[Term<F>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<F>> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(_, m)| m.is_one())
    }

    pub fn leading_term(&self) -> Option<&Term<F>> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.0)
    }

    /// Maximum total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(_, m)| m.degree()).max()
    }

    /// True when all terms share one weighted degree (zero counts as homogeneous).
    pub fn is_homogeneous(&self) -> bool {
        let w = self.ring.weights();
        let mut it = self.terms.iter().map(|(_, m)| m.weighted_degree(w));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Weighted degree of the leading term.
    pub fn weighted_degree(&self) -> Option<u64> {
        self.leading_monomial().map(|m| self.ring.weighted_degree(m))
    }

    /// The common bidegree of all terms.
    pub fn bidegree(&self) -> Result<(i32, i32)> {
        if !self.ring.is_bigraded() {
            return Err(Error::NotBigraded);
        }
        let mut it = self.terms.iter().map(|(_, m)| self.ring.bidegree(m).unwrap());
        let first = it.next().ok_or(Error::ZeroHasNoBidegree)?;
        if it.all(|b| b == first) {
            Ok(first)
        } else {
            Err(Error::NotBihomogeneous)
        }
    }

    pub fn neg(&self) -> Self {
        let f = self.field();
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(c, m)| (f.neg(c), m.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.field();
        if f.is_zero(c) {
            return Poly::zero(&self.ring);
        }
        if f.is_one(c) {
            return self.clone();
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(a, m)| (f.mul(a, c), m.clone())).collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field().inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn mul_term(&self, c: &F::Elem, m: &Monomial) -> Self {
        let f = self.field();
        if f.is_zero(c) {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(a, n)| (f.mul(a, c), n.mul(m))).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert!(same_ring(&self.ring, &other.ring));
        Poly {
            ring: self.ring.clone(),
            terms: merge_add(&self.ring, &self.terms, &other.terms, None),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert!(same_ring(&self.ring, &other.ring));
        let f = self.field();
        let minus_one = f.neg(&f.one());
        Poly {
            ring: self.ring.clone(),
            terms: merge_add(&self.ring, &self.terms, &other.terms, Some((&minus_one, None))),
        }
    }

    /// `self + c * m * g`.
    pub fn add_scaled(&self, c: &F::Elem, m: &Monomial, g: &Self) -> Self {
        Poly {
            ring: self.ring.clone(),
            terms: merge_add(&self.ring, &self.terms, &g.terms, Some((c, Some(m)))),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert!(same_ring(&self.ring, &other.ring));
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ring);
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let (c, m) = &small.terms[0];
            return big.mul_term(c, m);
        }
        let f = self.field();
        let mut acc = SumAccumulator::new(&self.ring);
        for (a, ma) in &small.terms {
            acc.extend(big.terms.iter().map(|(b, mb)| (f.mul(a, b), ma.mul(mb))));
        }
        acc.finish()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Replaces variable `i` by `images[i]`; all images must share a ring.
    pub fn substitute(&self, images: &[Poly<F>]) -> Result<Poly<F>> {
        if images.len() != self.ring.nvars() {
            return Err(Error::ArityMismatch {
                expected: self.ring.nvars(),
                found: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => {
                // no variables: constants map to constants of the same ring
                return Ok(self.clone());
            }
        };
        if images.iter().any(|p| !same_ring(&p.ring, &target)) {
            return Err(Error::RingMismatch);
        }
        Ok(substitute_into(self, images, &target))
    }

    /// Evaluates at a point of `k^n`.
    pub fn evaluate(&self, point: &[F::Elem]) -> F::Elem {
        let f = self.field();
        let mut powers: Vec<Vec<F::Elem>> = point.iter().map(|p| vec![f.one(), p.clone()]).collect();
        let mut acc = f.zero();
        for (c, m) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut powers[i];
                while pw.len() <= e as usize {
                    let next = f.mul(pw.last().unwrap(), &point[i]);
                    pw.push(next);
                }
                t = f.mul(&t, &pw[e as usize]);
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    pub fn partial_derivative(&self, i: usize) -> Self {
        let f = self.field();
        let mut terms = Vec::new();
        for (c, m) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            let c2 = f.mul(c, &f.from_i64(e as i64));
            if f.is_zero(&c2) {
                continue;
            }
            let mut m2 = m.clone();
            m2.set_exp(i, e - 1);
            terms.push((c2, m2));
        }
        // differentiation can reorder terms under non-lex orders
        Poly::from_terms(&self.ring, terms)
    }

    /// Moves the polynomial into `target`, sending variable `i` to
    /// `var_map[i]`. Entries for variables that do not occur are ignored.
    pub fn remap(&self, target: &RingRef<F>, var_map: &[usize]) -> Poly<F> {
        assert_eq!(var_map.len(), self.ring.nvars());
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(c, m)| {
                let mut exps = vec![0 as Exp; n];
                for (i, &e) in m.exps().iter().enumerate() {
                    if e > 0 {
                        exps[var_map[i]] += e;
                    }
                }
                (c.clone(), Monomial::from_exps(&exps))
            })
            .collect();
        Poly::from_terms(target, terms)
    }

    /// Re-sorts the terms for a ring with the same variables but another order.
    pub fn with_ring(&self, target: &RingRef<F>) -> Poly<F> {
        assert_eq!(target.nvars(), self.ring.nvars());
        Poly::from_terms(target, self.terms.clone())
    }

    /// Exact quotient `self / g`, or `None` when `g` does not divide `self`.
    pub fn exact_div(&self, g: &Poly<F>) -> Option<Poly<F>> {
        let (lcg, lmg) = g.leading_term()?;
        let f = self.field();
        let inv = f.inv(lcg)?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((c, m)) = rem.leading_term() {
            let q = m.div(lmg)?;
            let qc = f.mul(c, &inv);
            rem = rem.add_scaled(&f.neg(&qc), &q, g);
            quot.push((qc, q));
        }
        Some(Poly::from_sorted(&self.ring, quot))
    }

    /// Index of every variable that occurs.
    pub fn support(&self) -> Vec<usize> {
        let n = self.ring.nvars();
        (0..n)
            .filter(|&i| self.terms.iter().any(|(_, m)| m.exp(i) > 0))
            .collect()
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        let mut s = String::new();
        write_poly(self.field(), &self.terms, names, &mut s).expect("string write");
        s
    }
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(self.field(), &self.terms, self.ring.names(), f)
    }
}

pub(crate) fn write_monomial(m: &Monomial, names: &[String], out: &mut dyn fmt::Write) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            out.write_char('*')?;
        }
        first = false;
        out.write_str(&names[i])?;
        if e > 1 {
            write!(out, "^{e}")?;
        }
    }
    Ok(())
}

fn write_poly<F: Field>(
    field: &F,
    terms: &[Term<F>],
    names: &[String],
    out: &mut dyn fmt::Write,
) -> fmt::Result {
    if terms.is_empty() {
        return out.write_char('0');
    }
    for (k, (c, m)) in terms.iter().enumerate() {
        let negative = field.is_negative(c);
        let abs = if negative { field.neg(c) } else { c.clone() };
        if negative {
            out.write_char('-')?;
        } else if k > 0 {
            out.write_char('+')?;
        }
        if m.is_one() {
            field.write_elem(&abs, out)?;
        } else {
            if !field.is_one(&abs) {
                field.write_elem(&abs, out)?;
                out.write_char('*')?;
            }
            write_monomial(m, names, out)?;
        }
    }
    Ok(())
}

/// Sorts descending, combines equal monomials, drops zeros.
pub(crate) fn canonicalize<F: Field>(ring: &RingRef<F>, mut terms: Vec<Term<F>>) -> Vec<Term<F>> {
    let order = ring.order();
    let f = ring.field();
    terms.sort_unstable_by(|a, b| order.cmp(&b.1, &a.1));
    let mut out: Vec<Term<F>> = Vec::with_capacity(terms.len());
    for (c, m) in terms {
        match out.last_mut() {
            Some((lc, lm)) if *lm == m => {
                *lc = f.add(lc, &c);
            }
            _ => {
                if let Some((lc, _)) = out.last() {
                    if f.is_zero(lc) {
                        out.pop();
                    }
                }
                out.push((c, m));
            }
        }
    }
    if let Some((lc, _)) = out.last() {
        if f.is_zero(lc) {
            out.pop();
        }
    }
    out
}

/// Merge `a + c * m * b` (or `a + c * b`, or `a + b`) for sorted term lists.
pub(crate) fn merge_add<F: Field>(
    ring: &RingRef<F>,
    a: &[Term<F>],
    b: &[Term<F>],
    scale: Option<(&F::Elem, Option<&Monomial>)>,
) -> Vec<Term<F>> {
    let f = ring.field();
    let order = ring.order();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let map_b = |t: &Term<F>| -> Term<F> {
        match scale {
            None => t.clone(),
            Some((c, None)) => (f.mul(&t.0, c), t.1.clone()),
            Some((c, Some(m))) => (f.mul(&t.0, c), t.1.mul(m)),
        }
    };
    let mut pending: Option<Term<F>> = if j < b.len() { Some(map_b(&b[0])) } else { None };
    while i < a.len() {
        let Some(bt) = pending.as_ref() else { break };
        match order.cmp(&a[i].1, &bt.1) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let bt = pending.take().unwrap();
                if !f.is_zero(&bt.0) {
                    out.push(bt);
                }
                j += 1;
                pending = b.get(j).map(map_b);
            }
            Ordering::Equal => {
                let s = f.add(&a[i].0, &bt.0);
                if !f.is_zero(&s) {
                    out.push((s, a[i].1.clone()));
                }
                i += 1;
                j += 1;
                pending = b.get(j).map(map_b);
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    if let Some(bt) = pending {
        if !f.is_zero(&bt.0) {
            out.push(bt);
        }
        for t in &b[j + 1..] {
            let t = map_b(t);
            if !f.is_zero(&t.0) {
                out.push(t);
            }
        }
    }
    out
}

/// Accumulates many terms, periodically compacting to bound memory.
pub(crate) struct SumAccumulator<F: Field> {
    ring: RingRef<F>,
    acc: Vec<Term<F>>,
    buf: Vec<Term<F>>,
}

const COMPACT_THRESHOLD: usize = 1 << 20;

impl<F: Field> SumAccumulator<F> {
    pub(crate) fn new(ring: &RingRef<F>) -> Self {
        SumAccumulator {
            ring: ring.clone(),
            acc: Vec::new(),
            buf: Vec::new(),
        }
    }

    pub(crate) fn extend<I: IntoIterator<Item = Term<F>>>(&mut self, it: I) {
        self.buf.extend(it);
        if self.buf.len() > COMPACT_THRESHOLD {
            self.compact();
        }
    }

    fn compact(&mut self) {
        let buf = std::mem::take(&mut self.buf);
        let sorted = canonicalize(&self.ring, buf);
        self.acc = merge_add(&self.ring, &self.acc, &sorted, None);
    }

    pub(crate) fn finish(mut self) -> Poly<F> {
        self.compact();
        Poly {
            ring: self.ring,
            terms: self.acc,
        }
    }
}

fn substitute_into<F: Field>(f: &Poly<F>, images: &[Poly<F>], target: &RingRef<F>) -> Poly<F> {
    let field = f.field();
    let mut powers: Vec<Vec<Poly<F>>> = images.iter().map(|p| vec![Poly::one(target), p.clone()]).collect();
    let mut acc = SumAccumulator::new(target);
    for (c, m) in &f.terms {
        let mut prod = Poly::constant(target, c.clone());
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let pw = &mut powers[i];
            while pw.len() <= e as usize {
                let next = pw.last().unwrap().mul(&images[i]);
                pw.push(next);
            }
            prod = prod.mul(&pw[e as usize]);
            if prod.is_zero() {
                break;
            }
        }
        acc.extend(prod.terms);
    }
    let _ = field;
    acc.finish()
}
