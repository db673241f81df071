//! Buchberger's algorithm on submodules of free modules `k[X]^r`.
//!
//! Ideals are the case `r = 1`. Module terms are ordered position over term:
//! a lower component index is larger, then the ring's monomial order decides.
//! The engine is resumable: pairs above the current truncation are kept and
//! processed when the cap is raised.

use std::cmp::Ordering;

use crate::field::Field;
use crate::monomial::Monomial;
use crate::ring::RingRef;

#[derive(Clone, Debug)]
pub(crate) struct MTerm<F: Field> {
    pub c: F::Elem,
    pub m: Monomial,
    pub comp: u32,
}

/// A module element with terms strictly descending.
#[derive(Clone, Debug)]
pub(crate) struct MVec<F: Field> {
    pub terms: Vec<MTerm<F>>,
}

impl<F: Field> MVec<F> {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&MTerm<F>> {
        self.terms.first()
    }
}

/// Where the engine stops processing pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    None,
    /// Defer pairs whose lcm has bidegree exceeding the cap in either slot.
    /// Sound only for rings whose variable bidegrees are nonnegative.
    Bidegree(i32, i32),
    /// Defer pairs whose sugar (weighted degree) exceeds the cap.
    Weight(i64),
}

pub(crate) struct ModuleCtx<F: Field> {
    pub ring: RingRef<F>,
    pub ncomps: usize,
    pub shifts: Vec<i64>,
}

impl<F: Field> ModuleCtx<F> {
    pub fn new(ring: &RingRef<F>, ncomps: usize) -> Self {
        ModuleCtx {
            ring: ring.clone(),
            ncomps,
            shifts: vec![0; ncomps],
        }
    }

    pub fn with_shifts(mut self, shifts: Vec<i64>) -> Self {
        assert_eq!(shifts.len(), self.ncomps);
        self.shifts = shifts;
        self
    }

    #[inline]
    pub fn cmp(&self, a: (&Monomial, u32), b: (&Monomial, u32)) -> Ordering {
        b.1.cmp(&a.1).then_with(|| self.ring.order().cmp(a.0, b.0))
    }

    #[inline]
    fn term_degree(&self, m: &Monomial, comp: u32) -> i64 {
        self.ring.weighted_degree(m) as i64 + self.shifts[comp as usize]
    }

    fn sugar_of(&self, v: &MVec<F>) -> i64 {
        v.terms
            .iter()
            .map(|t| self.term_degree(&t.m, t.comp))
            .max()
            .unwrap_or(0)
    }

    pub fn canonicalize(&self, mut terms: Vec<MTerm<F>>) -> MVec<F> {
        let f = self.ring.field();
        terms.sort_unstable_by(|a, b| self.cmp((&b.m, b.comp), (&a.m, a.comp)));
        let mut out: Vec<MTerm<F>> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(l) if l.comp == t.comp && l.m == t.m => l.c = f.add(&l.c, &t.c),
                _ => {
                    if out.last().is_some_and(|l| f.is_zero(&l.c)) {
                        out.pop();
                    }
                    out.push(t);
                }
            }
        }
        if out.last().is_some_and(|l| f.is_zero(&l.c)) {
            out.pop();
        }
        MVec { terms: out }
    }

    pub fn make_monic(&self, v: &mut MVec<F>) {
        let f = self.ring.field();
        if let Some(lead) = v.terms.first() {
            if f.is_one(&lead.c) {
                return;
            }
            let inv = f.inv(&lead.c).expect("nonzero lead");
            for t in v.terms.iter_mut() {
                t.c = f.mul(&t.c, &inv);
            }
        }
    }

    fn lcm_bidegree(&self, m: &Monomial) -> (i32, i32) {
        self.ring.bidegree(m).unwrap_or((0, 0))
    }
}

/// Ascending-order buckets for repeated additions during reduction.
struct GeoBucket<F: Field> {
    buckets: Vec<Vec<MTerm<F>>>,
}

impl<F: Field> GeoBucket<F> {
    fn new() -> Self {
        GeoBucket { buckets: Vec::new() }
    }

    fn capacity(i: usize) -> usize {
        4usize << (2 * i)
    }

    /// `terms` must be ascending.
    fn add(&mut self, ctx: &ModuleCtx<F>, mut terms: Vec<MTerm<F>>) {
        if terms.is_empty() {
            return;
        }
        let mut i = 0;
        while Self::capacity(i) < terms.len() {
            i += 1;
        }
        loop {
            if i >= self.buckets.len() {
                self.buckets.resize_with(i + 1, Vec::new);
            }
            let existing = std::mem::take(&mut self.buckets[i]);
            if !existing.is_empty() {
                terms = merge_ascending(ctx, existing, terms);
            }
            if terms.len() <= Self::capacity(i) {
                self.buckets[i] = terms;
                return;
            }
            i += 1;
        }
    }

    fn pop_leading(&mut self, ctx: &ModuleCtx<F>) -> Option<MTerm<F>> {
        let f = ctx.ring.field();
        loop {
            let mut best: Option<usize> = None;
            for (i, b) in self.buckets.iter().enumerate() {
                if let Some(t) = b.last() {
                    best = match best {
                        None => Some(i),
                        Some(j) => {
                            let u = self.buckets[j].last().unwrap();
                            if ctx.cmp((&t.m, t.comp), (&u.m, u.comp)) == Ordering::Greater {
                                Some(i)
                            } else {
                                Some(j)
                            }
                        }
                    };
                }
            }
            let j = best?;
            let mut lead = self.buckets[j].pop().unwrap();
            for i in 0..self.buckets.len() {
                if i == j {
                    continue;
                }
                if let Some(t) = self.buckets[i].last() {
                    if t.comp == lead.comp && t.m == lead.m {
                        let t = self.buckets[i].pop().unwrap();
                        lead.c = f.add(&lead.c, &t.c);
                    }
                }
            }
            if !f.is_zero(&lead.c) {
                return Some(lead);
            }
        }
    }

    /// Remaining terms in descending order.
    fn drain_descending(&mut self, ctx: &ModuleCtx<F>) -> Vec<MTerm<F>> {
        let mut all: Vec<MTerm<F>> = Vec::new();
        for b in self.buckets.drain(..) {
            all = if all.is_empty() { b } else { merge_ascending(ctx, all, b) };
        }
        all.reverse();
        all
    }
}

fn merge_ascending<F: Field>(ctx: &ModuleCtx<F>, a: Vec<MTerm<F>>, b: Vec<MTerm<F>>) -> Vec<MTerm<F>> {
    let f = ctx.ring.field();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut ia = a.into_iter().peekable();
    let mut ib = b.into_iter().peekable();
    loop {
        match (ia.peek(), ib.peek()) {
            (Some(x), Some(y)) => match ctx.cmp((&x.m, x.comp), (&y.m, y.comp)) {
                Ordering::Less => out.push(ia.next().unwrap()),
                Ordering::Greater => out.push(ib.next().unwrap()),
                Ordering::Equal => {
                    let mut x = ia.next().unwrap();
                    let y = ib.next().unwrap();
                    x.c = f.add(&x.c, &y.c);
                    if !f.is_zero(&x.c) {
                        out.push(x);
                    }
                }
            },
            (Some(_), None) => {
                out.extend(ia);
                break;
            }
            (None, Some(_)) => {
                out.extend(ib);
                break;
            }
            (None, None) => break,
        }
    }
    out
}

/// `c * m * v[skip..]` as an ascending term list.
fn scaled_tail_ascending<F: Field>(f: &F, v: &MVec<F>, skip: usize, c: &F::Elem, m: &Monomial) -> Vec<MTerm<F>> {
    v.terms[skip..]
        .iter()
        .rev()
        .map(|t| MTerm {
            c: f.mul(&t.c, c),
            m: t.m.mul(m),
            comp: t.comp,
        })
        .collect()
}

struct BasisElem<F: Field> {
    v: MVec<F>,
    lm: Monomial,
    comp: u32,
    mask: u64,
    sugar: i64,
    /// Superseded for pair creation (its lead is divisible by a newer lead).
    retired: bool,
}

#[derive(Clone, Debug)]
enum PairKind {
    Spair(usize, usize),
    Input(usize),
}

#[derive(Clone, Debug)]
struct Pair {
    kind: PairKind,
    lcm: Monomial,
    comp: u32,
    sugar: i64,
}

pub(crate) struct Engine<F: Field> {
    pub ctx: ModuleCtx<F>,
    basis: Vec<BasisElem<F>>,
    inputs: Vec<MVec<F>>,
    /// Sorted so that the next pair to process is last.
    pairs: Vec<Pair>,
    product_criterion: bool,
    pub reductions: usize,
}

impl<F: Field> Engine<F> {
    pub fn new(ctx: ModuleCtx<F>, gens: Vec<MVec<F>>) -> Self {
        let product_criterion = ctx.ncomps == 1;
        let mut e = Engine {
            ctx,
            basis: Vec::new(),
            inputs: Vec::new(),
            pairs: Vec::new(),
            product_criterion,
            reductions: 0,
        };
        for g in gens {
            e.add_input(g);
        }
        e
    }

    /// Queues another generator; it is processed by the next `run`.
    pub fn add_input(&mut self, g: MVec<F>) {
        if g.is_zero() {
            return;
        }
        let lead = g.lead().unwrap();
        let pair = Pair {
            kind: PairKind::Input(self.inputs.len()),
            lcm: lead.m.clone(),
            comp: lead.comp,
            sugar: self.ctx.sugar_of(&g),
        };
        self.inputs.push(g);
        self.insert_pair(pair);
    }

    fn pair_key_cmp(&self, a: &Pair, b: &Pair) -> Ordering {
        // ascending processing order: sugar, then lcm
        a.sugar
            .cmp(&b.sugar)
            .then_with(|| self.ctx.cmp((&a.lcm, a.comp), (&b.lcm, b.comp)))
    }

    fn insert_pair(&mut self, p: Pair) {
        // pairs sorted descending by key, so the smallest is at the end
        let pos = self
            .pairs
            .partition_point(|q| self.pair_key_cmp(q, &p) == Ordering::Greater);
        self.pairs.insert(pos, p);
    }

    fn exceeds(&self, p: &Pair, cap: Truncation) -> bool {
        match cap {
            Truncation::None => false,
            Truncation::Weight(w) => p.sugar > w,
            Truncation::Bidegree(cx, cy) => {
                let (bx, by) = self.ctx.lcm_bidegree(&p.lcm);
                bx > cx || by > cy
            }
        }
    }

    /// True when no pairs remain at any degree.
    pub fn is_complete(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pending_pairs(&self) -> usize {
        self.pairs.len()
    }

    /// Processes every pair not exceeding `cap`.
    pub fn run(&mut self, cap: Truncation) {
        loop {
            // the next pair within the cap; pairs beyond it are skipped but kept
            let idx = match cap {
                Truncation::Bidegree(..) => (0..self.pairs.len()).rev().find(|&i| !self.exceeds(&self.pairs[i], cap)),
                _ => match self.pairs.last() {
                    Some(p) if !self.exceeds(p, cap) => Some(self.pairs.len() - 1),
                    _ => None,
                },
            };
            let Some(idx) = idx else { break };
            let pair = self.pairs.remove(idx);
            let (vec, sugar) = match pair.kind {
                PairKind::Input(i) => {
                    let v = std::mem::replace(&mut self.inputs[i], MVec { terms: Vec::new() });
                    (v, pair.sugar)
                }
                PairKind::Spair(i, j) => (self.spoly(i, j), pair.sugar),
            };
            let mut reduced = self.reduce_full(vec);
            if reduced.is_zero() {
                continue;
            }
            self.ctx.make_monic(&mut reduced);
            self.add_element(reduced, sugar);
        }
    }

    fn spoly(&self, i: usize, j: usize) -> MVec<F> {
        let f = self.ctx.ring.field();
        let gi = &self.basis[i];
        let gj = &self.basis[j];
        let lcm = gi.lm.lcm(&gj.lm);
        let mi = lcm.div(&gi.lm).unwrap();
        let mj = lcm.div(&gj.lm).unwrap();
        // both elements are monic
        let mut bucket = GeoBucket::new();
        bucket.add(&self.ctx, scaled_tail_ascending(f, &gi.v, 1, &f.one(), &mi));
        bucket.add(&self.ctx, scaled_tail_ascending(f, &gj.v, 1, &f.neg(&f.one()), &mj));
        MVec {
            terms: bucket.drain_descending(&self.ctx),
        }
    }

    /// Full normal form against the current basis.
    pub fn reduce_full(&mut self, v: MVec<F>) -> MVec<F> {
        let (out, steps) = reduce_with(&self.ctx, &self.basis_view(), v, true);
        self.reductions += steps;
        out
    }

    /// Full normal form without touching the reduction counter.
    pub fn reduce_against_basis(&self, v: MVec<F>) -> (MVec<F>, usize) {
        reduce_with(&self.ctx, &self.basis_view(), v, true)
    }

    fn basis_view(&self) -> Vec<(&MVec<F>, &Monomial, u32, u64)> {
        self.basis.iter().map(|b| (&b.v, &b.lm, b.comp, b.mask)).collect()
    }

    fn add_element(&mut self, v: MVec<F>, sugar: i64) {
        let lead = v.lead().unwrap();
        let lm = lead.m.clone();
        let comp = lead.comp;
        let k = self.basis.len();
        let ctx = &self.ctx;

        // Gebauer-Moeller update
        let mut candidates: Vec<(usize, Monomial, bool)> = Vec::new();
        for (i, b) in self.basis.iter().enumerate() {
            if b.retired || b.comp != comp {
                continue;
            }
            let lcm = b.lm.lcm(&lm);
            let coprime = self.product_criterion && b.lm.gcd_is_one(&lm);
            candidates.push((i, lcm, coprime));
        }
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for idx in 0..candidates.len() {
            let (i, ref lcm, coprime) = candidates[idx];
            if coprime {
                kept.push((i, lcm.clone(), true));
                continue;
            }
            // drop if another candidate's lcm properly divides this lcm, or an
            // equal lcm was already kept
            let dominated = candidates.iter().enumerate().any(|(jdx, (_, l2, _))| {
                jdx != idx && l2.divides(lcm) && (l2 != lcm)
            }) || kept.iter().any(|(_, l2, _)| l2 == lcm);
            if !dominated {
                kept.push((i, lcm.clone(), false));
            }
        }
        // chain criterion on existing pairs
        let basis = &self.basis;
        self.pairs.retain(|p| {
            let PairKind::Spair(a, b) = p.kind else { return true };
            if p.comp != comp || !lm.divides(&p.lcm) {
                return true;
            }
            let la = basis[a].lm.lcm(&lm);
            let lb = basis[b].lm.lcm(&lm);
            la == p.lcm || lb == p.lcm
        });
        for b in self.basis.iter_mut() {
            if !b.retired && b.comp == comp && lm.divides(&b.lm) {
                b.retired = true;
            }
        }
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|(_, _, coprime)| !coprime)
            .map(|(i, lcm, _)| {
                let bi = &self.basis[i];
                let wl = ctx.ring.weighted_degree(&lcm) as i64;
                let si = bi.sugar + wl - ctx.ring.weighted_degree(&bi.lm) as i64;
                let sk = sugar + wl - ctx.ring.weighted_degree(&lm) as i64;
                Pair {
                    kind: PairKind::Spair(i, k),
                    lcm,
                    comp,
                    sugar: si.max(sk),
                }
            })
            .collect();
        let mask = lm.support_mask();
        self.basis.push(BasisElem {
            v,
            lm,
            comp,
            mask,
            sugar,
            retired: false,
        });
        for p in new_pairs {
            self.insert_pair(p);
        }
    }

    /// The reduced basis of everything found so far.
    pub fn reduced_basis(&self) -> Vec<MVec<F>> {
        let ctx = &self.ctx;
        // minimal leads
        let mut minimal: Vec<usize> = Vec::new();
        for (i, b) in self.basis.iter().enumerate() {
            let divisible = self.basis.iter().enumerate().any(|(j, c)| {
                j != i && c.comp == b.comp && c.lm.divides(&b.lm) && (c.lm != b.lm || j < i)
            });
            if !divisible {
                minimal.push(i);
            }
        }
        let view: Vec<(&MVec<F>, &Monomial, u32, u64)> = minimal
            .iter()
            .map(|&i| {
                let b = &self.basis[i];
                (&b.v, &b.lm, b.comp, b.mask)
            })
            .collect();
        let mut out: Vec<MVec<F>> = minimal
            .iter()
            .map(|&i| {
                let b = &self.basis[i];
                let tail = MVec {
                    terms: b.v.terms[1..].to_vec(),
                };
                let (red, _) = reduce_with(ctx, &view, tail, true);
                let mut terms = Vec::with_capacity(red.terms.len() + 1);
                terms.push(b.v.terms[0].clone());
                terms.extend(red.terms);
                MVec { terms }
            })
            .collect();
        out.sort_by(|a, b| {
            let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
            ctx.cmp((&x.m, x.comp), (&y.m, y.comp))
        });
        out
    }
}

/// Reduces `v` by a list of monic elements. With `full`, tail terms are
/// reduced as well; otherwise only the leading term is.
pub(crate) fn reduce_with<F: Field>(
    ctx: &ModuleCtx<F>,
    basis: &[(&MVec<F>, &Monomial, u32, u64)],
    v: MVec<F>,
    full: bool,
) -> (MVec<F>, usize) {
    let f = ctx.ring.field();
    let mut bucket = GeoBucket::new();
    let mut terms = v.terms;
    terms.reverse();
    bucket.add(ctx, terms);
    let mut out = Vec::new();
    let mut steps = 0;
    while let Some(lead) = bucket.pop_leading(ctx) {
        let mask = lead.m.support_mask();
        let reducer = basis
            .iter()
            .find(|(_, lm, comp, bm)| *comp == lead.comp && bm & !mask == 0 && lm.divides(&lead.m));
        match reducer {
            Some((g, lm, _, _)) => {
                let q = lead.m.div(lm).unwrap();
                let lc = &g.terms[0].c;
                let c = if f.is_one(lc) {
                    f.neg(&lead.c)
                } else {
                    f.neg(&f.div(&lead.c, lc).unwrap())
                };
                bucket.add(ctx, scaled_tail_ascending(f, g, 1, &c, &q));
                steps += 1;
            }
            None => {
                out.push(lead);
                if !full {
                    out.extend(bucket.drain_descending(ctx));
                    break;
                }
            }
        }
    }
    (MVec { terms: out }, steps)
}
